package headfirst.observer;

public interface Observer {
    void update(float temperature, float humidity, float pressure);
}
