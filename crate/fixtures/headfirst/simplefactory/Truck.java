package headfirst.simplefactory;

public class Truck extends Vehicle {
    public Truck() {
        wheels = 6;
    }
}
