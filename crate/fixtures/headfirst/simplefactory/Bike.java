package headfirst.simplefactory;

public class Bike extends Vehicle {
    public Bike() {
        wheels = 2;
    }
}
